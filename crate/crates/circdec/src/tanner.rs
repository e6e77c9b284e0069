//! Tanner-graph structure, RC-constraint and girth checks, exhaustive
//! (kappa, tau) trapping-set enumeration, orthogonal syndrome sets and the
//! size/tau bound verification.
//!
//! A (kappa, tau) trapping set is a set of kappa VNs whose induced subgraph
//! has exactly tau odd-degree CNs; tau is the popcount of the XOR of the
//! selected columns, so enumeration walks subsets with one column XORed in
//! or out per step.

use crate::gf::{BinaryMatrix, BitVec};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TannerError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("work budget {budget} subsets exceeded: only kappa <= {completed_kappa} fits (requested {requested_kappa})")]
    BudgetExceeded {
        budget: u128,
        completed_kappa: usize,
        requested_kappa: usize,
    },
    #[error("orthogonal-set structure violated at bit {bit}: position {position} appears in more than one row (RC failure)")]
    OrthogonalityViolation { bit: usize, position: usize },
    #[error("bound violated: ({kappa},{tau}) trapping set {vns:?} (expected tau >= {bound})")]
    BoundViolation {
        kappa: usize,
        tau: usize,
        bound: usize,
        vns: Vec<u32>,
    },
}

/// Sparse bipartite adjacency of a parity-check matrix: per-CN sorted VN
/// lists and per-VN sorted CN lists.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    cn_adj: Vec<Vec<u32>>,
    vn_adj: Vec<Vec<u32>>,
}

impl TannerGraph {
    pub fn from_matrix(h: &BinaryMatrix) -> TannerGraph {
        let m = h.rows();
        let n = h.cols();
        let mut cn_adj: Vec<Vec<u32>> = vec![Vec::new(); m];
        let mut vn_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for r in 0..m {
            let row = h.row(r);
            for j in row.iter_ones() {
                cn_adj[r].push(j as u32);
                vn_adj[j].push(r as u32);
            }
        }
        TannerGraph { cn_adj, vn_adj }
    }

    pub fn n_checks(&self) -> usize {
        self.cn_adj.len()
    }

    pub fn n_vars(&self) -> usize {
        self.vn_adj.len()
    }

    pub fn cn_neighbors(&self, i: usize) -> &[u32] {
        &self.cn_adj[i]
    }

    pub fn vn_neighbors(&self, j: usize) -> &[u32] {
        &self.vn_adj[j]
    }

    pub fn cn_degree(&self, i: usize) -> usize {
        self.cn_adj[i].len()
    }

    pub fn vn_degree(&self, j: usize) -> usize {
        self.vn_adj[j].len()
    }

    pub fn edge_count(&self) -> usize {
        self.cn_adj.iter().map(Vec::len).sum()
    }
}

/// Result of the row-column constraint check.
#[derive(Debug, Clone)]
pub struct RcCheck {
    pub ok: bool,
    /// On failure: the offending row pair and their shared 1-positions.
    pub witness: Option<(usize, usize, Vec<usize>)>,
}

/// True iff no two rows share more than one common 1-position.
pub fn rc_check(h: &BinaryMatrix) -> RcCheck {
    let m = h.rows();
    for r1 in 0..m {
        for r2 in r1 + 1..m {
            if h.row_and_weight(r1, r2) > 1 {
                let row1 = h.row(r1);
                let row2 = h.row(r2);
                let positions: Vec<usize> =
                    row1.iter_ones().filter(|&j| row2.get(j)).collect();
                return RcCheck {
                    ok: false,
                    witness: Some((r1, r2, positions)),
                };
            }
        }
    }
    RcCheck {
        ok: true,
        witness: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Cycle(usize),
    Acyclic,
}

/// Shortest cycle length of the bipartite graph of H (always even, >= 4),
/// via truncated BFS from every node with early exit once the best possible
/// length is reached.
pub fn girth(h: &BinaryMatrix) -> Girth {
    let g = TannerGraph::from_matrix(h);
    let m = g.n_checks();
    let n = g.n_vars();
    if m == 0 || n == 0 {
        return Girth::Acyclic;
    }
    // a 4-cycle exists iff the RC-constraint fails; the pairwise AND scan is
    // much cheaper than BFS on dense rows
    if !rc_check(h).ok {
        return Girth::Cycle(4);
    }

    let total = m + n;
    let neighbors = |u: usize| -> &[u32] {
        if u < m {
            g.cn_neighbors(u)
        } else {
            g.vn_neighbors(u - m)
        }
    };
    let to_node = |u: usize, v: u32| -> usize {
        if u < m {
            m + v as usize
        } else {
            v as usize
        }
    };

    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; total];
    let mut parent = vec![u32::MAX; total];
    let mut queue: Vec<u32> = Vec::with_capacity(total);
    for s in 0..total {
        // no 4-cycles exist past the RC check, so 6 is the floor
        if best == 6 {
            break;
        }
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        queue.push(s as u32);
        dist[s] = 0;
        parent[s] = u32::MAX;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            if (dist[u] as usize) * 2 + 1 >= best {
                break;
            }
            for &vraw in neighbors(u) {
                let v = to_node(u, vraw);
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u as u32;
                    queue.push(v as u32);
                } else if parent[u] != v as u32 {
                    let len = (dist[u] + dist[v] + 1) as usize;
                    if len < best {
                        best = len;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Cycle(best)
    }
}

/// One enumerated trapping set with its classification flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrappingSetRecord {
    pub vns: Vec<u32>,
    pub kappa: usize,
    pub tau: usize,
    /// induced CN degree -> count (degree-0 CNs are not listed)
    pub cn_degree_hist: BTreeMap<usize, usize>,
    /// all induced CN degrees in {1,2} with exactly tau of degree 1
    pub elementary: bool,
    /// kappa <= floor(sqrt(n)) and tau <= 4*kappa
    pub small: bool,
    /// tau = 0: the support indicator is a codeword
    pub codeword: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsFilter {
    All,
    Elementary,
    Codeword,
}

/// Packed columns of H for incremental syndrome accumulation.
struct ColumnSet {
    words: usize,
    cols: Vec<Vec<u64>>,
}

impl ColumnSet {
    fn new(h: &BinaryMatrix) -> ColumnSet {
        let words = h.rows().div_ceil(64);
        let cols = (0..h.cols())
            .map(|j| h.column(j).words().to_vec())
            .collect();
        ColumnSet { words, cols }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn subset_count(n: usize, kappa_max: usize) -> u128 {
    (1..=kappa_max as u128)
        .map(|k| binomial(n as u128, k))
        .sum()
}

pub const DEFAULT_WORK_BUDGET: u128 = 1_000_000_000;

/// Walks all VN subsets of size 1..=kappa_max whose smallest element is
/// `start`, calling `visit(vns, tau)` for each; the accumulator holds the
/// XOR of the selected columns so each step costs one column XOR.
fn scan_from<F: FnMut(&[u32], usize)>(
    cs: &ColumnSet,
    kappa_max: usize,
    start: usize,
    visit: &mut F,
) {
    fn rec<F: FnMut(&[u32], usize)>(
        cs: &ColumnSet,
        kappa_max: usize,
        next: usize,
        acc: &mut [u64],
        chosen: &mut Vec<u32>,
        visit: &mut F,
    ) {
        let tau = acc.iter().map(|w| w.count_ones() as usize).sum();
        visit(chosen, tau);
        if chosen.len() == kappa_max {
            return;
        }
        for j in next..cs.cols.len() {
            for (a, b) in acc.iter_mut().zip(&cs.cols[j]) {
                *a ^= b;
            }
            chosen.push(j as u32);
            rec(cs, kappa_max, j + 1, acc, chosen, visit);
            chosen.pop();
            for (a, b) in acc.iter_mut().zip(&cs.cols[j]) {
                *a ^= b;
            }
        }
    }

    let mut acc = vec![0u64; cs.words];
    let mut chosen: Vec<u32> = Vec::with_capacity(kappa_max.max(1));
    for (a, b) in acc.iter_mut().zip(&cs.cols[start]) {
        *a ^= b;
    }
    chosen.push(start as u32);
    rec(cs, kappa_max, start + 1, &mut acc, &mut chosen, visit);
}

fn build_record(g: &TannerGraph, n: usize, vns: &[u32], tau: usize) -> TrappingSetRecord {
    let mut degree: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in vns {
        for &c in g.vn_neighbors(v as usize) {
            *degree.entry(c).or_insert(0) += 1;
        }
    }
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degree.values() {
        *hist.entry(d).or_insert(0) += 1;
    }
    let deg1 = *hist.get(&1).unwrap_or(&0);
    let elementary = hist.keys().all(|&d| d <= 2) && deg1 == tau;
    let kappa = vns.len();
    let small = kappa <= (n as f64).sqrt().floor() as usize && tau <= 4 * kappa;
    TrappingSetRecord {
        vns: vns.to_vec(),
        kappa,
        tau,
        cn_degree_hist: hist,
        elementary,
        small,
        codeword: tau == 0,
    }
}

/// Classifies a single VN set (recomputing tau and all flags from H); the
/// codeword flag is cross-checked against null-space membership.
pub fn classify(h: &BinaryMatrix, vns: &[u32]) -> TrappingSetRecord {
    let g = TannerGraph::from_matrix(h);
    let mut indicator = BitVec::zeros(h.cols());
    for &v in vns {
        indicator.set(v as usize, true);
    }
    let syndrome = h.mul_vec(&indicator);
    let tau = syndrome.count_ones();
    let rec = build_record(&g, h.cols(), vns, tau);
    debug_assert_eq!(rec.codeword, syndrome.is_zero());
    rec
}

/// Exhaustive enumeration of all (kappa, tau) trapping sets with
/// 1 <= kappa <= kappa_max, keeping records that pass the filter and
/// tau <= tau_max. Work is sharded over the smallest VN index and merged
/// deterministically.
pub fn enumerate_trapping_sets(
    h: &BinaryMatrix,
    kappa_max: usize,
    tau_max: Option<usize>,
    filter: TsFilter,
    budget: Option<u128>,
) -> Result<Vec<TrappingSetRecord>, TannerError> {
    if h.rows() == 0 || h.cols() == 0 {
        return Err(TannerError::EmptyGraph);
    }
    let n = h.cols();
    let kappa_max = kappa_max.min(n);
    check_budget(n, kappa_max, budget)?;
    let g = TannerGraph::from_matrix(h);
    let cs = ColumnSet::new(h);
    let tau_cap = tau_max.unwrap_or(usize::MAX);

    let shards: Vec<Vec<TrappingSetRecord>> = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut records = Vec::new();
            scan_from(&cs, kappa_max, start, &mut |vns, tau| {
                if tau > tau_cap {
                    return;
                }
                let keep = match filter {
                    TsFilter::All => true,
                    TsFilter::Codeword => tau == 0,
                    TsFilter::Elementary => build_record(&g, n, vns, tau).elementary,
                };
                if keep {
                    records.push(build_record(&g, n, vns, tau));
                }
            });
            records
        })
        .collect();
    let mut out: Vec<TrappingSetRecord> = shards.into_iter().flatten().collect();
    out.sort_by(|a, b| (a.kappa, &a.vns).cmp(&(b.kappa, &b.vns)));
    Ok(out)
}

fn check_budget(n: usize, kappa_max: usize, budget: Option<u128>) -> Result<(), TannerError> {
    let budget = budget.unwrap_or(DEFAULT_WORK_BUDGET);
    if subset_count(n, kappa_max) > budget {
        let mut completed = 0usize;
        while completed < kappa_max && subset_count(n, completed + 1) <= budget {
            completed += 1;
        }
        return Err(TannerError::BudgetExceeded {
            budget,
            completed_kappa: completed,
            requested_kappa: kappa_max,
        });
    }
    Ok(())
}

/// Distinct tau values over all subsets of size exactly kappa.
pub fn tau_spectrum(
    h: &BinaryMatrix,
    kappa: usize,
    budget: Option<u128>,
) -> Result<std::collections::BTreeSet<usize>, TannerError> {
    if h.rows() == 0 || h.cols() == 0 {
        return Err(TannerError::EmptyGraph);
    }
    let n = h.cols();
    check_budget(n, kappa, budget)?;
    let cs = ColumnSet::new(h);
    let sets = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut taus = std::collections::BTreeSet::new();
            scan_from(&cs, kappa, start, &mut |vns, tau| {
                if vns.len() == kappa {
                    taus.insert(tau);
                }
            });
            taus
        })
        .reduce(std::collections::BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(sets)
}

/// Minimum tau per kappa over all subsets of size 1..=kappa_max, with the
/// lexicographically smallest witness set for each minimum.
pub fn min_tau_table(
    h: &BinaryMatrix,
    kappa_max: usize,
    budget: Option<u128>,
) -> Result<Vec<(usize, usize, Vec<u32>)>, TannerError> {
    if h.rows() == 0 || h.cols() == 0 {
        return Err(TannerError::EmptyGraph);
    }
    let n = h.cols();
    let kappa_max = kappa_max.min(n);
    check_budget(n, kappa_max, budget)?;
    let cs = ColumnSet::new(h);
    let init = || vec![(usize::MAX, Vec::new()); kappa_max + 1];
    let merged = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut best: Vec<(usize, Vec<u32>)> = init();
            scan_from(&cs, kappa_max, start, &mut |vns, tau| {
                let k = vns.len();
                if tau < best[k].0 || (tau == best[k].0 && vns < best[k].1.as_slice()) {
                    best[k] = (tau, vns.to_vec());
                }
            });
            best
        })
        .reduce(init, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                if rb.0 < ra.0 || (rb.0 == ra.0 && !rb.1.is_empty() && rb.1 < ra.1) {
                    *ra = rb;
                }
            }
            a
        });
    Ok(merged
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, (tau, vns))| (k, tau, vns))
        .collect())
}

/// The set of rows orthogonal on bit j, with the structural properties
/// validated: every row checks bit j, and any other bit is checked by at
/// most one row of the set.
#[derive(Debug, Clone)]
pub struct OrthogonalSet {
    pub bit: usize,
    pub rows: Vec<usize>,
}

pub fn orthogonal_sets(h: &BinaryMatrix, j: usize) -> Result<OrthogonalSet, TannerError> {
    let rows: Vec<usize> = (0..h.rows()).filter(|&r| h.get(r, j)).collect();
    if rows.is_empty() {
        return Err(TannerError::ZeroColumn(j));
    }
    let mut covered = vec![false; h.cols()];
    for &r in &rows {
        for pos in h.row(r).iter_ones() {
            if pos == j {
                continue;
            }
            if covered[pos] {
                return Err(TannerError::OrthogonalityViolation {
                    bit: j,
                    position: pos,
                });
            }
            covered[pos] = true;
        }
    }
    Ok(OrthogonalSet { bit: j, rows })
}

/// Per-kappa minimum-tau report for the size/tau bounds: for kappa <=
/// min(kappa_check, gamma) every trapping set must have tau >= gamma and
/// tau >= kappa(gamma - kappa + 1); for kappa < gamma - 3 no set may be
/// small in the Definition-2 sense (tau <= 4*kappa).
#[derive(Debug, Clone)]
pub struct TauBoundReport {
    pub gamma: usize,
    /// (kappa, min tau, witness VN set)
    pub min_tau: Vec<(usize, usize, Vec<u32>)>,
}

pub fn verify_size_tau_bound(
    h: &BinaryMatrix,
    gamma: usize,
    kappa_check: usize,
    budget: Option<u128>,
) -> Result<TauBoundReport, TannerError> {
    let kappa_max = kappa_check.min(gamma);
    let table = min_tau_table(h, kappa_max, budget)?;
    for &(kappa, min_tau, ref vns) in &table {
        let config_bound = kappa * (gamma + 1 - kappa);
        let bound = gamma.max(config_bound);
        if min_tau < bound {
            return Err(TannerError::BoundViolation {
                kappa,
                tau: min_tau,
                bound,
                vns: vns.clone(),
            });
        }
        if kappa < gamma.saturating_sub(3) && min_tau <= 4 * kappa {
            return Err(TannerError::BoundViolation {
                kappa,
                tau: min_tau,
                bound: 4 * kappa + 1,
                vns: vns.clone(),
            });
        }
    }
    Ok(TauBoundReport {
        gamma,
        min_tau: table,
    })
}

/// CSV serialization of trapping-set findings:
/// kappa, tau, elementary, codeword, vn_indices (semicolon-separated).
pub fn records_to_csv(records: &[TrappingSetRecord]) -> String {
    let mut out = String::from("kappa,tau,elementary,codeword,vn_indices\n");
    for r in records {
        let vns: Vec<String> = r.vns.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.kappa,
            r.tau,
            r.elementary,
            r.codeword,
            vns.join(";")
        ));
    }
    out
}
