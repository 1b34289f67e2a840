//! Summatory functions of the subgroup counts over the hyperbolic region
//! `mn <= x`, plain and log-weighted, with two independent algorithms.
//!
//! `NAIVE` walks the region pair by pair. `REDUCED` rewrites the divisor
//! structure through the kernel `T(y) = Σ_{k<=y} τ(k)²`: substituting
//! `m = d m'`, `n = d n'` in the divisor-sum formulas and using
//! `#{(m',n') : m'n' = k} = τ(k)` gives
//!
//! ```text
//! D_s(x)  = Σ_{d<=√x} d      · T(x/d²)
//! D_c(x)  = Σ_{d<=√x} φ(d)   · T(x/d²)
//! D̃_*(x) = Σ_{d<=√x} w(d) · Σ_{k<=x/d²} τ(k)² (log x − 2 log d − log k)
//! ```
//!
//! The kernel sums come from a segmented divisor-pair sieve, so memory
//! stays bounded while `x` scales to 10⁸ and beyond. Floating
//! accumulation is compensated (Neumaier) and parallel reductions merge
//! in a fixed order, making weighted results bit-reproducible regardless
//! of thread count.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::{isqrt, ArithTables};
use crate::counts::{c_count, s_count, CFormula, SFormula};
use crate::error::{Error, Result};
use crate::{constants, Variant};

/// Largest `x` the naive algorithm accepts by default.
pub const DEFAULT_NAIVE_CAP: u64 = 1_000_000;

/// Entries per sieve segment (u32 counters: 16 MiB per live segment).
const SEGMENT_LEN: u64 = 1 << 22;

/// Which evaluation strategy to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Naive,
    Reduced,
}

/// Unweighted sums are exact integers; weighted sums are floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Exact(u64),
    Weighted(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Exact(v) => v as f64,
            Value::Weighted(v) => v,
        }
    }
}

/// Outcome of a summatory evaluation.
#[derive(Debug, Clone)]
pub struct SummatoryResult {
    pub x: f64,
    pub variant: Variant,
    pub weighted: bool,
    pub value: Value,
    pub algorithm: Algorithm,
    pub elapsed: Duration,
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    #[inline]
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn total(&self) -> f64 {
        self.sum + self.c
    }
}

/// Per-segment τ² sums: `(Σ τ(k)², Σ τ(k)² log k)` over `k` in `[lo, hi)`.
/// The log pass only runs when `need_logs` is set.
fn segment_sums(lo: u64, hi: u64, need_logs: bool) -> Result<(u64, f64)> {
    debug_assert!(lo >= 1 && hi > lo);
    let len = (hi - lo) as usize;
    let mut counts = vec![0u32; len];
    let top = hi - 1;
    let mut d = 1u64;
    while d * d <= top {
        let q_lo = d.max(lo.div_ceil(d));
        let q_hi = top / d;
        let mut q = q_lo;
        while q <= q_hi {
            let idx = (d * q - lo) as usize;
            counts[idx] += if q == d { 1 } else { 2 };
            q += 1;
        }
        d += 1;
    }
    let mut t_seg = 0u64;
    let mut l_seg = Compensated::default();
    if need_logs {
        for (i, &c) in counts.iter().enumerate() {
            let sq = (c as u64) * (c as u64);
            t_seg += sq;
            if c > 0 {
                let k = lo + i as u64;
                l_seg.add(sq as f64 * (k as f64).ln());
            }
        }
    } else {
        for &c in &counts {
            t_seg += (c as u64) * (c as u64);
        }
    }
    Ok((t_seg, l_seg.total()))
}

/// `(Σ_{k<=y} τ(k)², Σ_{k<=y} τ(k)² log k)` by the segmented sieve,
/// parallel over segments with an ordered merge.
fn kernel_sums(y: u64, need_logs: bool) -> Result<(u64, f64)> {
    if y == 0 {
        return Ok((0, 0.0));
    }
    let n_segments = y.div_ceil(SEGMENT_LEN);
    let partials: Vec<Result<(u64, f64)>> = (0..n_segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT_LEN + 1;
            let hi = (lo + SEGMENT_LEN).min(y + 1);
            segment_sums(lo, hi, need_logs)
        })
        .collect();
    let mut total = 0u64;
    let mut logs = Compensated::default();
    for p in partials {
        let (t, l) = p?;
        total = total
            .checked_add(t)
            .ok_or_else(|| Error::Overflow("tau-square sum exceeds 64 bits".into()))?;
        logs.add(l);
    }
    Ok((total, logs.total()))
}

/// `Σ_{k<=⌊y⌋} τ(k)²`.
pub fn tau_square_sum(y: f64) -> Result<u64> {
    if y < 0.0 || !y.is_finite() {
        return Err(Error::Domain(format!("tau_square_sum: y = {y} must be >= 0")));
    }
    Ok(kernel_sums(y as u64, false)?.0)
}

/// `Σ_{k<=⌊y⌋} τ(k)² (C − log k)`, compensated. Linear in `C`:
/// it equals `C · tau_square_sum(y) − Σ τ(k)² log k`.
pub fn weighted_kernel(y: f64, c: f64) -> Result<f64> {
    if y < 1.0 || !y.is_finite() {
        return Err(Error::Domain(format!("weighted_kernel: y = {y} must be >= 1")));
    }
    let (t, l) = kernel_sums(y as u64, true)?;
    Ok(c * t as f64 - l)
}

fn require_tables(tables: &ArithTables, needed: u64, what: &str) -> Result<()> {
    if tables.limit() < needed {
        return Err(Error::Size(format!(
            "{what}: tables cover 1..={} but 1..={needed} is required",
            tables.limit()
        )));
    }
    Ok(())
}

/// Summatory function `D` (unweighted) or `D̃` (log-weighted) of the
/// chosen variant at `x`, by the chosen algorithm.
pub fn summatory(
    variant: Variant,
    weighted: bool,
    x: f64,
    algorithm: Algorithm,
    tables: &ArithTables,
) -> Result<SummatoryResult> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("summatory: x = {x} must be >= 1")));
    }
    if x >= (1u64 << 53) as f64 {
        return Err(Error::Size(format!("summatory: x = {x} is beyond 2^53")));
    }
    let started = Instant::now();
    let fx = x as u64;
    let value = match algorithm {
        Algorithm::Naive => {
            if fx > DEFAULT_NAIVE_CAP {
                return Err(Error::Size(format!(
                    "summatory: naive algorithm is capped at x <= {DEFAULT_NAIVE_CAP}"
                )));
            }
            require_tables(tables, fx, "summatory (naive)")?;
            naive_sum(variant, weighted, x, fx, tables)?
        }
        Algorithm::Reduced => {
            let root = isqrt(fx);
            require_tables(tables, root.max(1), "summatory (reduced)")?;
            reduced_sum(variant, weighted, x, fx, root, tables)?
        }
    };
    Ok(SummatoryResult {
        x,
        variant,
        weighted,
        value,
        algorithm,
        elapsed: started.elapsed(),
    })
}

/// Pair-by-pair walk of the region, single-threaded by contract.
fn naive_sum(
    variant: Variant,
    weighted: bool,
    x: f64,
    fx: u64,
    tables: &ArithTables,
) -> Result<Value> {
    let ln_x = x.ln();
    let mut exact = 0u64;
    let mut weighted_acc = Compensated::default();
    for m in 1..=fx {
        let n_max = fx / m;
        for n in 1..=n_max {
            let count = match variant {
                Variant::S => s_count(m, n, SFormula::F3, tables)?,
                Variant::C => c_count(m, n, CFormula::C4, tables)?,
            };
            if weighted {
                let w = ln_x - ((m * n) as f64).ln();
                weighted_acc.add(count as f64 * w);
            } else {
                exact = exact
                    .checked_add(count)
                    .ok_or_else(|| Error::Overflow("summatory sum exceeds 64 bits".into()))?;
            }
        }
    }
    Ok(if weighted {
        Value::Weighted(weighted_acc.total())
    } else {
        Value::Exact(exact)
    })
}

/// Kernel reduction `Σ_{d<=√x} w(d) K(x/d²)`, parallel inside each kernel
/// call, accumulated over `d` in fixed ascending order.
fn reduced_sum(
    variant: Variant,
    weighted: bool,
    x: f64,
    fx: u64,
    root: u64,
    tables: &ArithTables,
) -> Result<Value> {
    let ln_x = x.ln();
    let mut exact = 0u64;
    let mut weighted_acc = Compensated::default();
    for d in 1..=root {
        let y = fx / (d * d);
        if y == 0 {
            break;
        }
        let w = match variant {
            Variant::S => d,
            Variant::C => tables.phi(d),
        };
        if weighted {
            // log(x) − log(d² k), grouped to avoid cancellation near x/d²
            let c = ln_x - 2.0 * (d as f64).ln();
            let (t, l) = kernel_sums(y, true)?;
            weighted_acc.add(w as f64 * (c * t as f64 - l));
        } else {
            let (t, _) = kernel_sums(y, false)?;
            let term = w
                .checked_mul(t)
                .ok_or_else(|| Error::Overflow("summatory term exceeds 64 bits".into()))?;
            exact = exact
                .checked_add(term)
                .ok_or_else(|| Error::Overflow("summatory sum exceeds 64 bits".into()))?;
        }
    }
    Ok(if weighted {
        Value::Weighted(weighted_acc.total())
    } else {
        Value::Exact(exact)
    })
}

/// Truncated double Dirichlet series against its closed Euler-product
/// value: `partial = Σ_{mn<=N} count(m,n) m^{-z} n^{-w}` and
/// `closed = ζ²(z) ζ²(w) ζ(z+w−1) / ζ^k(z+w)` with `k = 1` for the
/// s-variant, `k = 2` for the c-variant.
pub fn dirichlet_truncation(
    variant: Variant,
    z: f64,
    w: f64,
    n: u64,
    digits: usize,
    tables: &ArithTables,
) -> Result<(f64, f64)> {
    if !(z > 1.0) || !(w > 1.0) {
        return Err(Error::Domain(format!(
            "dirichlet_truncation: need z > 1 and w > 1, got z = {z}, w = {w}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("dirichlet_truncation: N must be >= 1".into()));
    }
    if n > 10_000_000 {
        return Err(Error::Size(
            "dirichlet_truncation: N capped at 10^7".into(),
        ));
    }
    require_tables(tables, n, "dirichlet_truncation")?;
    let mut partial = Compensated::default();
    for m in 1..=n {
        let m_pow = (m as f64).powf(-z);
        for nn in 1..=n / m {
            let count = match variant {
                Variant::S => s_count(m, nn, SFormula::F2, tables)?,
                Variant::C => c_count(m, nn, CFormula::C4, tables)?,
            };
            partial.add(count as f64 * m_pow * (nn as f64).powf(-w));
        }
    }
    let zz = constants::zeta_real(z, digits)?;
    let zw = constants::zeta_real(w, digits)?;
    let zs = constants::zeta_real(z + w - 1.0, digits)?;
    let zd = constants::zeta_real(z + w, digits)?;
    let denominator_power = match variant {
        Variant::S => 1,
        Variant::C => 2,
    };
    let closed = zz.powi(2) * zw.powi(2) * zs / zd.powi(denominator_power);
    Ok((partial.total(), closed.to_f64()))
}
