//! BPSK/AWGN channel simulation, syndrome computation, sum-product and
//! scaled min-sum iterative decoders, one-step majority-logic decoding and a
//! seeded Monte Carlo BER/BLER harness.
//!
//! Reproducibility contract: every frame derives its own RNG from
//! (seed, snr index, frame index), so reports are bit-identical regardless
//! of worker count.

use crate::gf::{BinaryMatrix, BitVec};
use crate::tanner::TannerGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("vector length {got} does not match matrix width {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("LLR input contains a non-finite value at position {0}")]
    NonFiniteLlr(usize),
    #[error("max_iter must be at least 1")]
    BadIterations,
    #[error("column {0} is empty; majority-logic needs every bit checked")]
    EmptyColumn(usize),
}

/// BPSK over AWGN: bit b maps to 1 - 2b and the noise variance is
/// sigma^2 = 1/(2 R 10^(EbN0/10)).
#[derive(Debug, Clone, Copy)]
pub struct ChannelSpec {
    pub ebn0_db: f64,
    pub rate: f64,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn noise_variance(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// Gaussian sample via Box-Muller; two uniforms per call keeps the RNG
/// stream layout independent of any library distribution internals.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Channel LLRs for transmitted bits over BPSK/AWGN: positive favors 0.
pub fn awgn_llrs(bits: &[u8], sigma2: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let sigma = sigma2.sqrt();
    bits.iter()
        .map(|&b| {
            let x = 1.0 - 2.0 * b as f64;
            let y = x + sigma * gaussian(rng);
            2.0 * y / sigma2
        })
        .collect()
}

/// Decoder output: hard decisions, iterations used and the convergence flag
/// (zero syndrome). The optional trace records the syndrome weight after
/// each iteration.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub hard: Vec<u8>,
    pub iterations: usize,
    pub converged: bool,
    pub syndrome_weight_trace: Option<Vec<usize>>,
}

/// s = z * H^T over GF(2); depends only on the error pattern.
pub fn syndrome(h: &BinaryMatrix, z: &[u8]) -> Result<BitVec, DecodeError> {
    if z.len() != h.cols() {
        return Err(DecodeError::LengthMismatch {
            got: z.len(),
            want: h.cols(),
        });
    }
    Ok(h.mul_vec(&BitVec::from_bits(z)))
}

/// One-step majority-logic decoding: bit j flips iff strictly more than
/// floor(gamma_j / 2) of its orthogonal syndrome-sums are nonzero. A single
/// pass corrects any pattern of up to floor(gamma/2) errors on an
/// RC-constrained matrix.
pub fn osmlgd(h: &BinaryMatrix, z: &[u8]) -> Result<DecodeResult, DecodeError> {
    let g = TannerGraph::from_matrix(h);
    osmlgd_with_graph(h, &g, z)
}

fn osmlgd_with_graph(
    h: &BinaryMatrix,
    g: &TannerGraph,
    z: &[u8],
) -> Result<DecodeResult, DecodeError> {
    let s = syndrome(h, z)?;
    let mut hard = z.to_vec();
    for j in 0..h.cols() {
        let neighbors = g.vn_neighbors(j);
        if neighbors.is_empty() {
            return Err(DecodeError::EmptyColumn(j));
        }
        let failed = neighbors.iter().filter(|&&c| s.get(c as usize)).count();
        if failed * 2 > neighbors.len() {
            hard[j] ^= 1;
        }
    }
    let out_syndrome = syndrome(h, &hard)?;
    Ok(DecodeResult {
        converged: out_syndrome.is_zero(),
        hard,
        iterations: 1,
        syndrome_weight_trace: None,
    })
}

/// Exhaustively decodes every error pattern of exactly `weight` errors with
/// OSMLGD (all-zero codeword; by linearity this covers every codeword) and
/// returns (failures, patterns tried).
pub fn osmlgd_exhaustive(h: &BinaryMatrix, weight: usize) -> Result<(usize, u64), DecodeError> {
    let n = h.cols();
    if weight == 0 {
        let res = osmlgd(h, &vec![0u8; n])?;
        let ok = res.converged && res.hard.iter().all(|&b| b == 0);
        return Ok(((!ok) as usize, 1));
    }
    let g = TannerGraph::from_matrix(h);
    let failures_and_count = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut pattern = vec![0u8; n];
            pattern[first] = 1;
            let mut fails = 0usize;
            let mut count = 0u64;
            let mut idx = Vec::with_capacity(weight);
            idx.push(first);
            exhaust_rec(h, &g, &mut pattern, &mut idx, weight, &mut fails, &mut count);
            (fails, count)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(failures_and_count)
}

#[allow(clippy::too_many_arguments)]
fn exhaust_rec(
    h: &BinaryMatrix,
    g: &TannerGraph,
    pattern: &mut Vec<u8>,
    idx: &mut Vec<usize>,
    weight: usize,
    fails: &mut usize,
    count: &mut u64,
) {
    if idx.len() == weight {
        *count += 1;
        let res = osmlgd_with_graph(h, g, pattern).expect("length fixed");
        if !res.converged || res.hard.iter().any(|&b| b != 0) {
            *fails += 1;
        }
        return;
    }
    let last = *idx.last().unwrap();
    for j in last + 1..h.cols() {
        pattern[j] = 1;
        idx.push(j);
        exhaust_rec(h, g, pattern, idx, weight, fails, count);
        idx.pop();
        pattern[j] = 0;
    }
}

/// Internal LLR clamp: keeps boxplus saturated without producing NaN.
pub const LLR_CLAMP: f64 = 30.0;

/// phi(x) = -ln tanh(x/2), an involution on (0, inf); used for the stable
/// sum-product CN update.
fn phi(x: f64) -> f64 {
    let x = x.clamp(1e-12, LLR_CLAMP);
    -((x / 2.0).tanh()).ln()
}

#[derive(Debug, Clone, Copy)]
enum CnUpdate {
    SumProduct,
    MinSum { scale: f64 },
}

/// Flooding-schedule belief propagation. Early exit on zero syndrome of the
/// running hard decision; output is the hard decision of the posterior LLRs.
fn bp_decode(
    h: &BinaryMatrix,
    llrs: &[f64],
    max_iter: usize,
    update: CnUpdate,
    trace: bool,
) -> Result<DecodeResult, DecodeError> {
    if llrs.len() != h.cols() {
        return Err(DecodeError::LengthMismatch {
            got: llrs.len(),
            want: h.cols(),
        });
    }
    if let Some(bad) = llrs.iter().position(|x| !x.is_finite()) {
        return Err(DecodeError::NonFiniteLlr(bad));
    }
    if max_iter == 0 {
        return Err(DecodeError::BadIterations);
    }

    let g = TannerGraph::from_matrix(h);
    let m = g.n_checks();
    let n = g.n_vars();
    // edge ids in CN-major order
    let mut cn_off = Vec::with_capacity(m + 1);
    cn_off.push(0usize);
    for i in 0..m {
        cn_off.push(cn_off[i] + g.cn_degree(i));
    }
    let edges = cn_off[m];
    let mut edge_vn = vec![0u32; edges];
    let mut vn_edges: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 0..m {
        for (k, &v) in g.cn_neighbors(i).iter().enumerate() {
            let e = cn_off[i] + k;
            edge_vn[e] = v;
            vn_edges[v as usize].push(e as u32);
        }
    }

    let mut v2c = vec![0f64; edges];
    let mut c2v = vec![0f64; edges];
    for e in 0..edges {
        v2c[e] = llrs[edge_vn[e] as usize].clamp(-LLR_CLAMP, LLR_CLAMP);
    }

    let mut hard: Vec<u8> = llrs.iter().map(|&x| (x < 0.0) as u8).collect();
    let mut trace_vec = if trace { Some(Vec::new()) } else { None };
    if syndrome(h, &hard)?.is_zero() {
        return Ok(DecodeResult {
            hard,
            iterations: 0,
            converged: true,
            syndrome_weight_trace: trace_vec,
        });
    }

    for iter in 1..=max_iter {
        // CN update
        for i in 0..m {
            let lo = cn_off[i];
            let hi = cn_off[i + 1];
            match update {
                CnUpdate::SumProduct => {
                    let mut sign = 1f64;
                    let mut total = 0f64;
                    for e in lo..hi {
                        let x = v2c[e];
                        if x < 0.0 {
                            sign = -sign;
                        }
                        total += phi(x.abs());
                    }
                    for e in lo..hi {
                        let x = v2c[e];
                        let s = if x < 0.0 { -sign } else { sign };
                        let mag = phi((total - phi(x.abs())).max(1e-12));
                        c2v[e] = (s * mag).clamp(-LLR_CLAMP, LLR_CLAMP);
                    }
                }
                CnUpdate::MinSum { scale } => {
                    let mut sign = 1f64;
                    let mut min1 = f64::INFINITY;
                    let mut min2 = f64::INFINITY;
                    let mut min_e = lo;
                    for e in lo..hi {
                        let x = v2c[e];
                        if x < 0.0 {
                            sign = -sign;
                        }
                        let a = x.abs();
                        if a < min1 {
                            min2 = min1;
                            min1 = a;
                            min_e = e;
                        } else if a < min2 {
                            min2 = a;
                        }
                    }
                    for e in lo..hi {
                        let x = v2c[e];
                        let s = if x < 0.0 { -sign } else { sign };
                        let mag = if e == min_e { min2 } else { min1 };
                        c2v[e] = (s * scale * mag).clamp(-LLR_CLAMP, LLR_CLAMP);
                    }
                }
            }
        }
        // VN update and posterior
        let mut posterior = llrs.to_vec();
        for e in 0..edges {
            posterior[edge_vn[e] as usize] += c2v[e];
        }
        for (v, edges_of_v) in vn_edges.iter().enumerate() {
            for &e in edges_of_v {
                let x = posterior[v] - c2v[e as usize];
                v2c[e as usize] = x.clamp(-LLR_CLAMP, LLR_CLAMP);
            }
        }
        for (v, &p) in posterior.iter().enumerate() {
            hard[v] = (p < 0.0) as u8;
        }
        let s = syndrome(h, &hard)?;
        if let Some(t) = trace_vec.as_mut() {
            t.push(s.count_ones());
        }
        if s.is_zero() {
            return Ok(DecodeResult {
                hard,
                iterations: iter,
                converged: true,
                syndrome_weight_trace: trace_vec,
            });
        }
    }
    Ok(DecodeResult {
        hard,
        iterations: max_iter,
        converged: false,
        syndrome_weight_trace: trace_vec,
    })
}

/// Sum-product decoding with the flooding schedule.
pub fn spa_decode(
    h: &BinaryMatrix,
    llrs: &[f64],
    max_iter: usize,
) -> Result<DecodeResult, DecodeError> {
    bp_decode(h, llrs, max_iter, CnUpdate::SumProduct, false)
}

/// Scaled min-sum decoding (VN-excluded minimum times `scale`).
pub fn min_sum_decode(
    h: &BinaryMatrix,
    llrs: &[f64],
    max_iter: usize,
    scale: f64,
) -> Result<DecodeResult, DecodeError> {
    bp_decode(h, llrs, max_iter, CnUpdate::MinSum { scale }, false)
}

/// Decoder selection for the Monte Carlo harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoderSpec {
    Spa { max_iter: usize },
    MinSum { max_iter: usize, scale: f64 },
    Osmlgd,
}

pub const DEFAULT_MIN_SUM_SCALE: f64 = 0.75;

/// Stopping rule: a SNR point finishes when either bound is hit.
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    pub max_frames: usize,
    pub min_frame_errors: usize,
}

/// One row of a simulation report.
#[derive(Debug, Clone)]
pub struct SimRow {
    pub snr_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub undetected: u64,
    pub ber: f64,
    pub bler: f64,
    pub avg_iters: f64,
}

/// Per-SNR Monte Carlo results. BER uses transmitted codeword bits n as the
/// denominator (all-zero-codeword convention), stated in the CSV header.
#[derive(Debug, Clone)]
pub struct SimReport {
    pub rows: Vec<SimRow>,
}

impl SimReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "# ber denominator: n transmitted codeword bits per frame (all-zero codeword)\n\
             snr_db,frames,bit_errors,frame_errors,undetected,ber,bler,avg_iters\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.6e},{:.6e},{:.3}\n",
                r.snr_db,
                r.frames,
                r.bit_errors,
                r.frame_errors,
                r.undetected,
                r.ber,
                r.bler,
                r.avg_iters
            ));
        }
        out
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Counter-based per-frame RNG: mixing (seed, snr index, frame index) makes
/// results independent of worker count and batch size.
fn frame_rng(seed: u64, snr_idx: usize, frame: u64) -> ChaCha8Rng {
    let mut state = seed ^ 0x6a09e667f3bcc908;
    let a = splitmix64(&mut state);
    state ^= (snr_idx as u64).wrapping_mul(0xd6e8feb86659fd93);
    let b = splitmix64(&mut state);
    state ^= frame.wrapping_mul(0xa5a5a5a5a5a5a5a5);
    let c = splitmix64(&mut state);
    let d = splitmix64(&mut state);
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&a.to_le_bytes());
    key[8..16].copy_from_slice(&b.to_le_bytes());
    key[16..24].copy_from_slice(&c.to_le_bytes());
    key[24..32].copy_from_slice(&d.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

const BATCH: u64 = 256;

/// Seeded Monte Carlo simulation of the all-zero codeword over BPSK/AWGN.
/// Frames are independent; undetected errors (converged to a wrong codeword)
/// are counted separately.
pub fn monte_carlo(
    h: &BinaryMatrix,
    decoder: DecoderSpec,
    snrs_db: &[f64],
    stop: StopRule,
    seed: u64,
) -> Result<SimReport, DecodeError> {
    let n = h.cols();
    let rank = h.rank();
    let rate = (n.saturating_sub(rank)) as f64 / n as f64;
    let mut rows = Vec::with_capacity(snrs_db.len());
    for (snr_idx, &snr_db) in snrs_db.iter().enumerate() {
        let sigma2 = ChannelSpec {
            ebn0_db: snr_db,
            rate,
            seed,
        }
        .noise_variance();
        let mut frames = 0u64;
        let mut bit_errors = 0u64;
        let mut frame_errors = 0u64;
        let mut undetected = 0u64;
        let mut iters_total = 0u64;
        while frames < stop.max_frames as u64 {
            let batch = BATCH.min(stop.max_frames as u64 - frames);
            let results: Vec<(u64, u64, u64, u64)> = (frames..frames + batch)
                .into_par_iter()
                .map(|frame| {
                    let mut rng = frame_rng(seed, snr_idx, frame);
                    let zero = vec![0u8; n];
                    let llrs = awgn_llrs(&zero, sigma2, &mut rng);
                    let res = match decoder {
                        DecoderSpec::Spa { max_iter } => {
                            spa_decode(h, &llrs, max_iter).expect("valid llrs")
                        }
                        DecoderSpec::MinSum { max_iter, scale } => {
                            min_sum_decode(h, &llrs, max_iter, scale).expect("valid llrs")
                        }
                        DecoderSpec::Osmlgd => {
                            let z: Vec<u8> = llrs.iter().map(|&x| (x < 0.0) as u8).collect();
                            osmlgd(h, &z).expect("valid length")
                        }
                    };
                    let errs = res.hard.iter().filter(|&&b| b != 0).count() as u64;
                    let fe = (errs > 0) as u64;
                    let und = (errs > 0 && res.converged) as u64;
                    (errs, fe, und, res.iterations as u64)
                })
                .collect();
            for (errs, fe, und, iters) in results {
                bit_errors += errs;
                frame_errors += fe;
                undetected += und;
                iters_total += iters;
            }
            frames += batch;
            if frame_errors >= stop.min_frame_errors as u64 {
                break;
            }
        }
        rows.push(SimRow {
            snr_db,
            frames,
            bit_errors,
            frame_errors,
            undetected,
            ber: bit_errors as f64 / (frames as f64 * n as f64),
            bler: frame_errors as f64 / frames as f64,
            avg_iters: iters_total as f64 / frames as f64,
        });
    }
    Ok(SimReport { rows })
}
